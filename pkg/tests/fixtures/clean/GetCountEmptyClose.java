package app.db;

import android.database.Cursor;
import android.database.sqlite.SQLiteDatabase;

public class GetCountEmptyClose {
    public void export(SQLiteDatabase db) {
        Cursor c = db.rawQuery("SELECT * FROM rows", null);
        if (c.getCount() == 0) {
            c.close();
            return;
        }
        write(c);
        c.close();
    }

    private void write(Cursor c) {
    }
}
