package app.db;

import android.database.Cursor;
import android.database.sqlite.SQLiteDatabase;

public class ExtentExceptional {
    public void advance(SQLiteDatabase db) {
        Cursor c = db.rawQuery("SELECT id FROM rows", null);
        c.moveToNext();
        c.close();
    }
}
