package app.db;

import android.database.Cursor;
import android.database.sqlite.SQLiteDatabase;

public class MoveToFirstFinally {
    public void showFirstEntry(SQLiteDatabase db) {
        Cursor c = db.rawQuery("SELECT name FROM entries", null);
        try {
            if (c.moveToFirst()) {
                render(c.getString(0));
            }
        } finally {
            c.close();
        }
    }

    private void render(String name) {
    }
}
