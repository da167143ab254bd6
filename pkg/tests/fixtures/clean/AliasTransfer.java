package app.db;

import android.database.Cursor;
import android.database.sqlite.SQLiteDatabase;

public class AliasTransfer {
    public void pair(SQLiteDatabase db) {
        Cursor c = db.rawQuery("SELECT id FROM a", null);
        Cursor d = c;
        c = db.rawQuery("SELECT id FROM b", null);
        d.close();
        c.close();
    }
}
